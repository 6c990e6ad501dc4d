package demo.ms4.store;

import java.util.UUID;
import org.springframework.data.mongodb.core.mapping.Document;

@Document(collection = "warehouses")
public class Warehouse {
    private UUID id;
    private String city;
    private int capacity;
}
