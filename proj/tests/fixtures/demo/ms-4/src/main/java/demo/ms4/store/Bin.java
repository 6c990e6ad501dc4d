package demo.ms4.store;

import org.springframework.data.mongodb.core.mapping.Document;

@Document
public class Bin {
    private String code;
    private Warehouse warehouse;
}
